import java.util.* ;

class Main {
    public static void main(String[] args) {
        Scanner in = new Scanner(System.in);
        int n = in.nextInt();
        int cnt = 0;
        for(int i = 2; i < n + 1; i++) {
            boolean f = true;
            int j = 2 ;
            while(j * j <= i) {
                if(i % j == 0 ) {
                    f  = false;
                    break;
                }
                j++;
            }
            if (f)
                cnt++;
        }
        System.out.println(cnt);
    }
}
