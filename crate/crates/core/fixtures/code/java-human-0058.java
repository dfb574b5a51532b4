import java.util.*;

class Main {
    public static void main(String[] args ) {
        Scanner scanner = new Scanner(System.in);
        int numCount = scanner.nextInt();
        int[] bwz = new int[numCount];
        for (int i = 0; i < numCount; i++) {
            bwz[i] = scanner.nextInt();
        }

        int kkz = scanner.nextInt( );
        int counter  = 0;
        for (int i = 0; i < numCount; i++) {
            for (int j = i+1; j < numCount; j++) {
                if(bwz[i]  + bwz[j] == kkz) {
                    counter++;
                }
            }
        }
        System.out.println(counter);
    }
}
